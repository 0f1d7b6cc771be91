package com.example.shop;

import java.util.List;

public class Newsletter {
    public int sendAll(List<Customer> customers, Mailer mailer) {
        int sent = 0;
        for (Customer customer : customers) {
            String address = customer.getEmail();
            if (!address.isEmpty() && mailer.deliver(address, "news")) {
                sent++;
            }
        }
        return sent;
    }
}
